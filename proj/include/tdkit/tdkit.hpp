#ifndef TDKIT_TDKIT_HPP
#define TDKIT_TDKIT_HPP

#include "tdkit/field.hpp"
#include "tdkit/matrix.hpp"
#include "tdkit/polynomial.hpp"
#include "tdkit/linalg.hpp"
#include "tdkit/spectral.hpp"
#include "tdkit/tdcore.hpp"
#include "tdkit/quotient.hpp"
#include "tdkit/diameter2.hpp"

#endif  // TDKIT_TDKIT_HPP
