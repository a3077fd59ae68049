#pragma once

// Umbrella header.

#include "modrep/dvr.hpp"
#include "modrep/linalg.hpp"
#include "modrep/groups.hpp"
#include "modrep/fp_algebra.hpp"
#include "modrep/module.hpp"
#include "modrep/stable.hpp"
#include "modrep/cover.hpp"
#include "modrep/arlab.hpp"
#include "modrep/report.hpp"
#include "modrep/suites.hpp"
#include "modrep/scenario.hpp"
