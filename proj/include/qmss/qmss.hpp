// Copyright 2026 The QMSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// @file qmss.hpp
/// Umbrella header.

#include "qmss/access_msp.hpp"
#include "qmss/blackbox.hpp"
#include "qmss/config.hpp"
#include "qmss/errors.hpp"
#include "qmss/finite_field.hpp"
#include "qmss/lmss.hpp"
#include "qmss/noise_analysis.hpp"
#include "qmss/protocol.hpp"
#include "qmss/qudit_sim.hpp"
#include "qmss/rng.hpp"
#include "qmss/transcript_json.hpp"
