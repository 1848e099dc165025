#pragma once

#include "bloch.hpp"
#include "cloner.hpp"
#include "frontier.hpp"
#include "matrix.hpp"
#include "network.hpp"
#include "random.hpp"
#include "signaling.hpp"
#include "verify.hpp"
