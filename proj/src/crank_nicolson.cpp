#include "crank_nicolson.hpp"

#include <Eigen/SparseLU>
#include <string>

#include "usfdtd/dense.hpp"
#include "usfdtd/steppers.hpp"

namespace usfdtd::detail {

namespace {

class CrankNicolsonStepper final : public Stepper {
 public:
  CrankNicolsonStepper(Formulation form, const Problem& problem)
      : Stepper(SchemeId::CRANK_NICOLSON_REF, form, problem) {
    const std::size_t n = unknown_count(problem.grid);
    if (n > kCrankNicolsonMaxUnknowns) {
      throw CapabilityError("Crank-Nicolson reference is limited to " +
                            std::to_string(kCrankNicolsonMaxUnknowns) + " unknowns, grid has " +
                            std::to_string(n));
    }
    const SparseMatrix curl = assemble_curl(problem.grid, problem.medium);
    SparseMatrix identity(curl.rows(), curl.cols());
    identity.setIdentity();
    SparseMatrix lhs;
    if (form == Formulation::Original) {
      lhs = identity - (problem.dt / 2.0) * curl;
      rhs_ = identity + (problem.dt / 2.0) * curl;
    } else {
      lhs = 0.5 * identity - (problem.dt / 4.0) * curl;
    }
    lhs.makeCompressed();
    lu_.compute(lhs);
    if (lu_.info() != Eigen::Success) {
      throw std::runtime_error("Crank-Nicolson factorization failed");
    }
  }

 protected:
  void do_initialize(const FieldSet& u0) override { u_ = u0; }

  void do_step() override {
    const Eigen::VectorXd x = pack(u_);
    Eigen::VectorXd y;
    if (formulation() == Formulation::Original) {
      y = lu_.solve(rhs_ * x);
    } else {
      y = lu_.solve(x) - x;
    }
    unpack(y, u_);
  }

  FieldSet do_output() const override { return u_; }

  void do_add_source(Component c, const Index3& at, double value) override {
    u_[c][at] += value;
  }

  std::vector<FieldSet> do_checkpoint() const override { return {u_}; }

  void do_restore(std::span<const FieldSet> state) override {
    if (state.size() != 1) throw std::invalid_argument("Crank-Nicolson checkpoint holds one set");
    u_ = state[0];
  }

 private:
  SparseMatrix rhs_;
  Eigen::SparseLU<SparseMatrix> lu_;
  FieldSet u_;
};

}  // namespace

std::size_t unknown_count(const YeeGrid& grid) {
  std::size_t n = 0;
  for (Component c : kComponents) n += component_extent(grid, c).volume();
  return n;
}

std::unique_ptr<Stepper> make_crank_nicolson(Formulation form, const Problem& problem) {
  return std::make_unique<CrankNicolsonStepper>(form, problem);
}

}  // namespace usfdtd::detail

namespace usfdtd {

FieldSet crank_nicolson_reference_step(const FieldSet& u, Formulation form,
                                       const Problem& problem) {
  auto stepper = detail::make_crank_nicolson(form, problem);
  stepper->initialize(u);
  stepper->step();
  return stepper->output();
}

}  // namespace usfdtd
