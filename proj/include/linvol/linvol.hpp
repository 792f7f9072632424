#pragma once

// Everything except the command-line front end (cli.hpp), which pulls in
// CLI11 and the JSON layer.

#include "errors.hpp"
#include "numeric.hpp"
#include "lp.hpp"
#include "genperm.hpp"
#include "involution.hpp"
#include "sampler.hpp"
#include "rauzy.hpp"
#include "suspension.hpp"
#include "cocycle.hpp"
#include "weakmix.hpp"
