// Copyright 2026 The HMS Authors
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

// Convenience header pulling in the whole library.

#ifndef HMS_HMS_HPP_
#define HMS_HMS_HPP_

#include "hms/consecutive.hpp"
#include "hms/error.hpp"
#include "hms/exact.hpp"
#include "hms/fpt.hpp"
#include "hms/greedy.hpp"
#include "hms/io.hpp"
#include "hms/lsh.hpp"
#include "hms/metrics.hpp"
#include "hms/model.hpp"
#include "hms/mpc.hpp"
#include "hms/rect.hpp"
#include "hms/reductions.hpp"
#include "hms/render.hpp"
#include "hms/union_find.hpp"

#endif  // HMS_HMS_HPP_
