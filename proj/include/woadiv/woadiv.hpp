#pragma once

#include "woadiv/benchmarks/cec2019.hpp"
#include "woadiv/benchmarks/classical.hpp"
#include "woadiv/benchmarks/registry.hpp"
#include "woadiv/core.hpp"
#include "woadiv/diversity.hpp"
#include "woadiv/harness.hpp"
#include "woadiv/trace.hpp"
#include "woadiv/woa.hpp"
