// Copyright 2026 The spinchain Authors
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

#pragma once

#include "spinchain/basis_state.hpp"
#include "spinchain/config.hpp"
#include "spinchain/error_analytics.hpp"
#include "spinchain/exact_propagator.hpp"
#include "spinchain/experiments.hpp"
#include "spinchain/pulse_protocol.hpp"
#include "spinchain/resonance_propagator.hpp"
#include "spinchain/spin_model.hpp"
