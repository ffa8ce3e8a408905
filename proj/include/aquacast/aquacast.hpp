// Copyright 2026 The Aquacast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header for the engine.  The HTTP layer lives in server.hpp and
// is not pulled in here.

#pragma once

#include "aquacast/api.hpp"
#include "aquacast/capacity.hpp"
#include "aquacast/dataset.hpp"
#include "aquacast/energy.hpp"
#include "aquacast/engine.hpp"
#include "aquacast/operators.hpp"
#include "aquacast/pipeline.hpp"
#include "aquacast/report.hpp"
#include "aquacast/tables.hpp"
#include "aquacast/units.hpp"
#include "aquacast/validate.hpp"
#include "aquacast/water.hpp"
#include "aquacast/wue.hpp"
