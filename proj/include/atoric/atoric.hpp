#pragma once

#include <atoric/lattice.hpp>
#include <atoric/base.hpp>
#include <atoric/moves.hpp>
#include <atoric/normalize.hpp>
#include <atoric/classify.hpp>
#include <atoric/geometry.hpp>
#include <atoric/io.hpp>
#include <atoric/svg.hpp>
#include <atoric/corpus.hpp>
