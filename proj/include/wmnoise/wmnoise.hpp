// Copyright 2026 The wmnoise Authors
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

#pragma once

#include "wmnoise/adjudication.hpp"
#include "wmnoise/channels.hpp"
#include "wmnoise/csv.hpp"
#include "wmnoise/errors.hpp"
#include "wmnoise/figures.hpp"
#include "wmnoise/gaussian_meter.hpp"
#include "wmnoise/optimizer.hpp"
#include "wmnoise/oracle.hpp"
#include "wmnoise/pps_search.hpp"
#include "wmnoise/qubit.hpp"
#include "wmnoise/qubit_meter.hpp"
#include "wmnoise/types.hpp"
#include "wmnoise/verify.hpp"
