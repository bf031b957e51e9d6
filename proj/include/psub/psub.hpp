#ifndef PSUB_PSUB_HPP
#define PSUB_PSUB_HPP

#include "batch.hpp"
#include "bitset.hpp"
#include "error.hpp"
#include "group.hpp"
#include "groupfile.hpp"
#include "homology.hpp"
#include "iso.hpp"
#include "perm.hpp"
#include "plattice.hpp"
#include "poset.hpp"
#include "report.hpp"
#include "semidirect.hpp"

#endif // PSUB_PSUB_HPP
