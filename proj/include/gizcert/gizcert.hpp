// Umbrella header.

#ifndef GIZCERT_GIZCERT_HPP_
#define GIZCERT_GIZCERT_HPP_

#include "gizcert/arith.hpp"
#include "gizcert/classes.hpp"
#include "gizcert/discgroup.hpp"
#include "gizcert/io.hpp"
#include "gizcert/isometry.hpp"
#include "gizcert/k3cert.hpp"
#include "gizcert/lattice.hpp"
#include "gizcert/matrix.hpp"
#include "gizcert/oracle.hpp"
#include "gizcert/quadform.hpp"

#endif  // GIZCERT_GIZCERT_HPP_
