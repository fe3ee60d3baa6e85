#pragma once

#include "smcipher/bench.hpp"
#include "smcipher/cipher.hpp"
#include "smcipher/confusion.hpp"
#include "smcipher/diffusion.hpp"
#include "smcipher/error.hpp"
#include "smcipher/key_schedule.hpp"
#include "smcipher/metrics.hpp"
#include "smcipher/pgm.hpp"
#include "smcipher/pixel_grid.hpp"
#include "smcipher/synth.hpp"
