#pragma once

// Everything except the CLI driver.

#include "brane_gauge/algebra/scalar.hpp"
#include "brane_gauge/algebra/matrix.hpp"
#include "brane_gauge/algebra/linalg.hpp"
#include "brane_gauge/algebra/polynomial.hpp"
#include "brane_gauge/algebra/hom_complex.hpp"
#include "brane_gauge/projective/twisted_complex.hpp"
#include "brane_gauge/torus/constant_complex.hpp"
#include "brane_gauge/yang_mills/ym.hpp"
#include "brane_gauge/cech/cech_line.hpp"
#include "brane_gauge/char_classes/char_classes.hpp"
#include "brane_gauge/io/json_io.hpp"
