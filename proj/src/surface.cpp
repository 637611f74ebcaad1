#include "hpn/surface.hpp"
