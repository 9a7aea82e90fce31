#pragma once

#include "k3cusps/arith.hpp"
#include "k3cusps/cusps.hpp"
#include "k3cusps/errors.hpp"
#include "k3cusps/lattice.hpp"
#include "k3cusps/matrix.hpp"
#include "k3cusps/mukai.hpp"
#include "k3cusps/nikulin.hpp"
#include "k3cusps/oracle.hpp"
#include "k3cusps/partners.hpp"
#include "k3cusps/quaternion.hpp"
#include "k3cusps/rational.hpp"
#include "k3cusps/serialize.hpp"
#include "k3cusps/smith.hpp"
