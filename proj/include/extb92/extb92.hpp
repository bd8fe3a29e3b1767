#pragma once
// Umbrella include for the whole library.

#include "extb92/channels.hpp"
#include "extb92/cli.hpp"
#include "extb92/core.hpp"
#include "extb92/keyrate.hpp"
#include "extb92/mcsim.hpp"
#include "extb92/oracle.hpp"
#include "extb92/rng.hpp"
