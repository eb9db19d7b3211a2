#pragma once

// Umbrella header: the full discrete two-time product toolkit.

#include "starframe/block_storage.hpp"
#include "starframe/cli.hpp"
#include "starframe/config.hpp"
#include "starframe/csv.hpp"
#include "starframe/errors.hpp"
#include "starframe/evolution.hpp"
#include "starframe/frames.hpp"
#include "starframe/grid.hpp"
#include "starframe/identities.hpp"
#include "starframe/metrics.hpp"
#include "starframe/parallel.hpp"
#include "starframe/rabi.hpp"
#include "starframe/reference.hpp"
#include "starframe/resolvent.hpp"
#include "starframe/star_element.hpp"
#include "starframe/star_ops.hpp"
#include "starframe/svg.hpp"
#include "starframe/verify.hpp"
