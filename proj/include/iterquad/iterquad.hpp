#pragma once

#include "iterquad/census.hpp"
#include "iterquad/config.hpp"
#include "iterquad/f2.hpp"
#include "iterquad/factor.hpp"
#include "iterquad/fq_field.hpp"
#include "iterquad/funcfield.hpp"
#include "iterquad/integer.hpp"
#include "iterquad/modpoly.hpp"
#include "iterquad/modular.hpp"
#include "iterquad/poly.hpp"
#include "iterquad/poly_factor.hpp"
#include "iterquad/primality.hpp"
#include "iterquad/prime_field.hpp"
#include "iterquad/primitive.hpp"
#include "iterquad/quadmap.hpp"
#include "iterquad/report.hpp"
#include "iterquad/sieve.hpp"
#include "iterquad/square_class.hpp"
#include "iterquad/squares.hpp"
#include "iterquad/commands.hpp"
