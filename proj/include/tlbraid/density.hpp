#pragma once

#include "tlbraid/density/bridge.hpp"
#include "tlbraid/density/decouple.hpp"
#include "tlbraid/density/generators.hpp"
#include "tlbraid/density/net.hpp"
#include "tlbraid/density/solovay_kitaev.hpp"
#include "tlbraid/density/su2.hpp"
#include "tlbraid/density/transfer.hpp"
