// Copyright 2026 The bctk Authors
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

// Everything except the command line.

#pragma once

#include "bctk/bct.hpp"
#include "bctk/classical.hpp"
#include "bctk/dsl/check.hpp"
#include "bctk/dsl/eval.hpp"
#include "bctk/dsl/generate.hpp"
#include "bctk/dsl/parser.hpp"
#include "bctk/dsl/printer.hpp"
#include "bctk/lct.hpp"
#include "bctk/ontic.hpp"
#include "bctk/process.hpp"
#include "bctk/random.hpp"
#include "bctk/scalar.hpp"
#include "bctk/systems.hpp"
#include "bctk/verify.hpp"
