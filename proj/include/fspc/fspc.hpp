/*
 * Copyright 2026 the fspc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "fspc/csv.hpp"
#include "fspc/errors.hpp"
#include "fspc/evaluate.hpp"
#include "fspc/event_log.hpp"
#include "fspc/matcher.hpp"
#include "fspc/mining.hpp"
#include "fspc/pattern.hpp"
#include "fspc/process_map.hpp"
#include "fspc/rational.hpp"
#include "fspc/rng.hpp"
#include "fspc/synthetic.hpp"
#include "fspc/threshold.hpp"
