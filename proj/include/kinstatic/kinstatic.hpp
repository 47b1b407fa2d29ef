#pragma once

#include "algebra.hpp"
#include "coadjoint.hpp"
#include "common.hpp"
#include "config.hpp"
#include "dynamics.hpp"
#include "group.hpp"
#include "integrate.hpp"
#include "io.hpp"
#include "tables.hpp"
#include "verify.hpp"
