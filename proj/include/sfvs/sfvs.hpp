#pragma once

#include "sfvs/vertex_set.hpp"
#include "sfvs/graph.hpp"
#include "sfvs/layout.hpp"
#include "sfvs/cut.hpp"
#include "sfvs/intervals.hpp"
#include "sfvs/nec.hpp"
#include "sfvs/dp.hpp"
#include "sfvs/verify.hpp"
#include "sfvs/nmc.hpp"
#include "sfvs/io.hpp"
