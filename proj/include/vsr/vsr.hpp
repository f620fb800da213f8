// Copyright 2026 The VSR Authors
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

// Umbrella header for the library. The HTTP front end lives in
// vsr/http_service.hpp and is not included here.

#pragma once

#include "vsr/clean_ast.hpp"
#include "vsr/corpus.hpp"
#include "vsr/error.hpp"
#include "vsr/frontend.hpp"
#include "vsr/lexer.hpp"
#include "vsr/metrics.hpp"
#include "vsr/mutate.hpp"
#include "vsr/node_kind.hpp"
#include "vsr/outcomes_io.hpp"
#include "vsr/parser.hpp"
#include "vsr/printer.hpp"
#include "vsr/raw_ast.hpp"
#include "vsr/reward.hpp"
#include "vsr/service.hpp"
#include "vsr/similarity.hpp"
#include "vsr/version.hpp"
