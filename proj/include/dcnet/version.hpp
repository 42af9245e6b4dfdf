#pragma once

#define DCNET_VERSION "0.1.0"
