#include "hpn/willmore.hpp"
