#pragma once

#include "saito/error.hpp"
#include "saito/qz.hpp"
#include "saito/smith.hpp"
#include "saito/abelian.hpp"
#include "saito/burnside.hpp"
#include "saito/zeta.hpp"
#include "saito/invertible.hpp"
#include "saito/verify.hpp"
#include "saito/fuzz.hpp"
#include "saito/report.hpp"
