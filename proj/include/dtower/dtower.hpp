/* Copyright 2026 The dtower Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Umbrella header. serialize.hpp is separate because it needs nlohmann/json.

#ifndef DTOWER_DTOWER_HPP
#define DTOWER_DTOWER_HPP

#include "error.hpp"
#include "ff.hpp"
#include "modules.hpp"
#include "params.hpp"
#include "recursion.hpp"
#include "skew.hpp"
#include "suites.hpp"
#include "tower.hpp"

#endif  // DTOWER_DTOWER_HPP
