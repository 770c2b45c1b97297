#pragma once

#include "curvesplit/angle_bundle.hpp"
#include "curvesplit/binform.hpp"
#include "curvesplit/charnum.hpp"
#include "curvesplit/errors.hpp"
#include "curvesplit/jumpcount.hpp"
#include "curvesplit/matrix.hpp"
#include "curvesplit/oracle.hpp"
#include "curvesplit/prng.hpp"
#include "curvesplit/rat.hpp"
#include "curvesplit/smoothing.hpp"
#include "curvesplit/splitting.hpp"
#include "curvesplit/spoly.hpp"
#include "curvesplit/version.hpp"
