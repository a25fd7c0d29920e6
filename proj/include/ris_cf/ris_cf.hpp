// SPDX-License-Identifier: Apache-2.0
//
// ris_cf: joint active/passive precoding for RIS-aided cell-free downlink
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef RIS_CF_HPP
#define RIS_CF_HPP

#include "ris_cf/channel_model.hpp"
#include "ris_cf/experiment.hpp"
#include "ris_cf/fp_transforms.hpp"
#include "ris_cf/optimizer.hpp"
#include "ris_cf/rng.hpp"
#include "ris_cf/subsolvers.hpp"
#include "ris_cf/synthetic.hpp"
#include "ris_cf/system_metrics.hpp"
#include "ris_cf/types.hpp"
#include "ris_cf/validation.hpp"

#endif
