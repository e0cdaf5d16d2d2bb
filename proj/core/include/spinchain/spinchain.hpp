#pragma once

#include "spinchain/errors.hpp"
#include "spinchain/figures.hpp"
#include "spinchain/hamiltonian.hpp"
#include "spinchain/numerics.hpp"
#include "spinchain/pair_measures.hpp"
#include "spinchain/parallel.hpp"
#include "spinchain/scans.hpp"
#include "spinchain/spin_basis.hpp"
#include "spinchain/thermal.hpp"
