// Copyright 2026 The clusterflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLUSTERFLOW_DOT_EXPORT_HPP
#define CLUSTERFLOW_DOT_EXPORT_HPP

#include <string>

#include "clusterflow/cluster.hpp"
#include "clusterflow/flow.hpp"

namespace clusterflow {

/// Renders the cluster and its classical signal flow as Graphviz DOT. Solid
/// dir=none edges are entanglement; dashed directed edges are outcome
/// dependencies labeled sign, flip, X, or Z. Ordering is fixed (nodes by
/// wire id then position, edges by a fixed walk) so output is byte-stable.
std::string export_dot(const ClusterGraph& graph, const MeasurementPattern& pattern);

}  // namespace clusterflow

#endif  // CLUSTERFLOW_DOT_EXPORT_HPP
