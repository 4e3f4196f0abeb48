#pragma once

#include "qlattice/error.hpp"
#include "qlattice/gfq.hpp"
#include "qlattice/qarith.hpp"
#include "qlattice/lattice.hpp"
#include "qlattice/family.hpp"
#include "qlattice/posets.hpp"
#include "qlattice/order_search.hpp"
#include "qlattice/search.hpp"
#include "qlattice/families.hpp"
#include "qlattice/transforms.hpp"
#include "qlattice/lym.hpp"
#include "qlattice/verify.hpp"
#include "qlattice/suites.hpp"
#include "qlattice/report.hpp"
