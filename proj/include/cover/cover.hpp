#pragma once

#include "cover/catalog.hpp"
#include "cover/cohomology.hpp"
#include "cover/cover_engine.hpp"
#include "cover/error.hpp"
#include "cover/fp_linalg.hpp"
#include "cover/group.hpp"
#include "cover/homsearch.hpp"
#include "cover/json_io.hpp"
#include "cover/square.hpp"
#include "cover/verify.hpp"
