#pragma once

#include <cstdint>

#include "lfree/io.hpp"

namespace lfree {

/// Top w, one infinite prime w, ladder "main" on the naturals with factorial weight.
AmbientPtr limitq_ambient();
/// a_n = 1/n! * k! on k >= n, zero below.
Element limitq_a(const AmbientPtr& amb, std::uint64_t n);
/// a_0 .. a_{count-1}.
GroupPresentation limitq_presentation(std::size_t count = 11);

/// Top w^w, infinite prime w^w, ladder "spine" on w^(k+1) with weights
/// b0 = factorial and b1 = factorial_poly:1; contains every e_x.
PresentationFile limit_chain_presentation();

/// Top w*2, infinite primes w and w*2 with ladders "left" (rungs k+1) and
/// "right" (rungs w+k+1); contains every e_x.
PresentationFile two_prime_presentation();

}  // namespace lfree
