#pragma once

#define MBEQ_VERSION "0.1.0"
