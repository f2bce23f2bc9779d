#pragma once

#include "atomkit/atom_set.hpp"
#include "atomkit/basis.hpp"
#include "atomkit/blur.hpp"
#include "atomkit/ca_samples.hpp"
#include "atomkit/cylalg.hpp"
#include "atomkit/ef_game.hpp"
#include "atomkit/error.hpp"
#include "atomkit/fincof.hpp"
#include "atomkit/graph.hpp"
#include "atomkit/io.hpp"
#include "atomkit/network_game.hpp"
#include "atomkit/partition.hpp"
#include "atomkit/relalg.hpp"
#include "atomkit/relational.hpp"
#include "atomkit/report.hpp"
#include "atomkit/rng.hpp"
#include "atomkit/vec.hpp"
