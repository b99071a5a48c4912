// Copyright 2026 The ldphs Authors
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

// Umbrella header.

#ifndef LDPHS_LDPHS_HPP_
#define LDPHS_LDPHS_HPP_

#include "ldphs/comparator.hpp"
#include "ldphs/dist.hpp"
#include "ldphs/error.hpp"
#include "ldphs/flatten.hpp"
#include "ldphs/harness.hpp"
#include "ldphs/instance_io.hpp"
#include "ldphs/ldp.hpp"
#include "ldphs/max_select.hpp"
#include "ldphs/noninteractive.hpp"
#include "ldphs/random.hpp"
#include "ldphs/reduction.hpp"
#include "ldphs/scheffe.hpp"
#include "ldphs/transcript.hpp"

#endif  // LDPHS_LDPHS_HPP_
