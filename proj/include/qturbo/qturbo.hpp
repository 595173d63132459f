// Copyright 2026 The qturbo Authors
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

#include "qturbo/bounds.hpp"
#include "qturbo/channel.hpp"
#include "qturbo/clifford.hpp"
#include "qturbo/distribution.hpp"
#include "qturbo/error.hpp"
#include "qturbo/exit.hpp"
#include "qturbo/interleaver.hpp"
#include "qturbo/io/config.hpp"
#include "qturbo/io/csv.hpp"
#include "qturbo/pauli.hpp"
#include "qturbo/pipeline.hpp"
#include "qturbo/qsbc.hpp"
#include "qturbo/qurc.hpp"
#include "qturbo/reference.hpp"
#include "qturbo/rng.hpp"
#include "qturbo/verify.hpp"
#include "qturbo/version.hpp"
