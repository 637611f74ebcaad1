#include "hpn/constructions.hpp"
