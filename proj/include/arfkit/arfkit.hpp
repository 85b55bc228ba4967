#pragma once

#include "arfkit/corpus.hpp"
#include "arfkit/registry.hpp"
#include "arfkit/report.hpp"
