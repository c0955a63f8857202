// Copyright 2026 The qmetro Authors
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

#include "qmetro/discrimination.hpp"
#include "qmetro/error.hpp"
#include "qmetro/fisher.hpp"
#include "qmetro/linalg.hpp"
#include "qmetro/manifold.hpp"
#include "qmetro/observable.hpp"
#include "qmetro/random.hpp"
#include "qmetro/sim.hpp"
#include "qmetro/state_io.hpp"
#include "qmetro/states.hpp"
#include "qmetro/sweep.hpp"
#include "qmetro/table.hpp"
#include "qmetro/uncertainty.hpp"
