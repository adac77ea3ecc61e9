#pragma once

#include "nsg/duality.hpp"
#include "nsg/error.hpp"
#include "nsg/interval.hpp"
#include "nsg/interval_calculus.hpp"
#include "nsg/io.hpp"
#include "nsg/oracle.hpp"
#include "nsg/system.hpp"
#include "nsg/transform.hpp"
#include "nsg/types.hpp"
#include "nsg/walnut.hpp"
