// Copyright 2026 The mdp Authors
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

#include "mdp/density.hpp"
#include "mdp/error.hpp"
#include "mdp/fock.hpp"
#include "mdp/gates.hpp"
#include "mdp/hom.hpp"
#include "mdp/json_io.hpp"
#include "mdp/measurement.hpp"
#include "mdp/metrics.hpp"
#include "mdp/pdc.hpp"
#include "mdp/registry.hpp"
#include "mdp/schmidt.hpp"
#include "mdp/slots.hpp"
#include "mdp/sym.hpp"
