// Copyright 2026 The qcoh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qcoh/basis_distance.hpp"
#include "qcoh/coherence.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/experiments.hpp"
#include "qcoh/haar.hpp"
#include "qcoh/linalg.hpp"
#include "qcoh/matrix_io.hpp"
#include "qcoh/monte_carlo.hpp"
