/*
 * Copyright 2026 The sotrace Authors
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

#include "sotrace/errors.hpp"
#include "sotrace/scalar.hpp"
#include "sotrace/matrix.hpp"
#include "sotrace/linalg.hpp"
#include "sotrace/words.hpp"
#include "sotrace/q_invariant.hpp"
#include "sotrace/representation.hpp"
#include "sotrace/sym2.hpp"
#include "sotrace/so_constructions.hpp"
#include "sotrace/rep_analysis.hpp"
