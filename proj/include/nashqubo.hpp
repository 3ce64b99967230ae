// Copyright 2026 The nashqubo Authors
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

#include "nashqubo/analysis.hpp"
#include "nashqubo/anneal.hpp"
#include "nashqubo/compile.hpp"
#include "nashqubo/encoding.hpp"
#include "nashqubo/error.hpp"
#include "nashqubo/exhaustive.hpp"
#include "nashqubo/external.hpp"
#include "nashqubo/game.hpp"
#include "nashqubo/game_file.hpp"
#include "nashqubo/qp.hpp"
#include "nashqubo/qubo.hpp"
#include "nashqubo/rational.hpp"
#include "nashqubo/run.hpp"
#include "nashqubo/sample_set.hpp"
