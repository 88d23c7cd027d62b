/* Copyright 2026 The msgcert Authors
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

#ifndef MSGCERT_MSGCERT_HPP
#define MSGCERT_MSGCERT_HPP

#include "msgcert/bounds.hpp"
#include "msgcert/combinatorics.hpp"
#include "msgcert/derandomizer.hpp"
#include "msgcert/error.hpp"
#include "msgcert/estimator.hpp"
#include "msgcert/gnn.hpp"
#include "msgcert/graph.hpp"
#include "msgcert/parallel.hpp"
#include "msgcert/random.hpp"
#include "msgcert/receptive_field.hpp"
#include "msgcert/smoothing.hpp"
#include "msgcert/synthetic.hpp"
#include "msgcert/votes.hpp"

#endif  // MSGCERT_MSGCERT_HPP
