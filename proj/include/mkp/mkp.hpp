#pragma once

#include "mkp/bench.hpp"
#include "mkp/cbga.hpp"
#include "mkp/error.hpp"
#include "mkp/generator.hpp"
#include "mkp/instance.hpp"
#include "mkp/io.hpp"
#include "mkp/lp.hpp"
#include "mkp/oracle.hpp"
#include "mkp/ordering.hpp"
#include "mkp/repair.hpp"
