#pragma once

#include "jetlift/errors.hpp"
#include "jetlift/rational.hpp"
#include "jetlift/ring.hpp"
#include "jetlift/poly.hpp"
#include "jetlift/series.hpp"
#include "jetlift/linalg.hpp"
#include "jetlift/vector_field.hpp"
#include "jetlift/jet.hpp"
#include "jetlift/flow.hpp"
#include "jetlift/frobenius.hpp"
#include "jetlift/cech.hpp"
#include "jetlift/lifting.hpp"
#include "jetlift/parse.hpp"
