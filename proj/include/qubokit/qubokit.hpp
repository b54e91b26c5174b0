// Copyright 2026 The qubokit Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include "qubokit/bench.hpp"
#include "qubokit/bnb.hpp"
#include "qubokit/catalog.hpp"
#include "qubokit/config.hpp"
#include "qubokit/errors.hpp"
#include "qubokit/exact.hpp"
#include "qubokit/generators.hpp"
#include "qubokit/io.hpp"
#include "qubokit/linalg.hpp"
#include "qubokit/model.hpp"
#include "qubokit/pa.hpp"
#include "qubokit/parallel.hpp"
#include "qubokit/reduction.hpp"
#include "qubokit/rng.hpp"
#include "qubokit/sa.hpp"
#include "qubokit/samples.hpp"
#include "qubokit/sbm.hpp"
#include "qubokit/solve.hpp"
