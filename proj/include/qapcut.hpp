// Copyright 2026 The qapcut Authors
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

#ifndef QAPCUT_HPP_
#define QAPCUT_HPP_

#include "qapcut/bnc.hpp"
#include "qapcut/cuts.hpp"
#include "qapcut/errors.hpp"
#include "qapcut/instance.hpp"
#include "qapcut/lap.hpp"
#include "qapcut/linearizations.hpp"
#include "qapcut/lp.hpp"
#include "qapcut/lp_format.hpp"
#include "qapcut/matrix.hpp"
#include "qapcut/report_json.hpp"
#include "qapcut/sense.hpp"

#endif  // QAPCUT_HPP_
