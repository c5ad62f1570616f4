#pragma once

#include "rcomp/error.hpp"
#include "rcomp/real.hpp"
#include "rcomp/sequence.hpp"
#include "rcomp/series.hpp"
#include "rcomp/count.hpp"
#include "rcomp/compare.hpp"
