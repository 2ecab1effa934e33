#pragma once

#include "cmkernel/errors.hpp"
#include "cmkernel/field.hpp"
#include "cmkernel/ring.hpp"
#include "cmkernel/monomial.hpp"
#include "cmkernel/polynomial.hpp"
#include "cmkernel/parser.hpp"
#include "cmkernel/groebner.hpp"
#include "cmkernel/ideal_ops.hpp"
#include "cmkernel/cech.hpp"
#include "cmkernel/kq_ring.hpp"
#include "cmkernel/semigroup.hpp"
#include "cmkernel/serialize.hpp"
