#include "hpn/pipeline.hpp"
