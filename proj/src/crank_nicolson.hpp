#pragma once

#include <memory>

#include "usfdtd/schemes.hpp"

namespace usfdtd::detail {

std::unique_ptr<Stepper> make_crank_nicolson(Formulation form, const Problem& problem);

std::size_t unknown_count(const YeeGrid& grid);

}  // namespace usfdtd::detail
