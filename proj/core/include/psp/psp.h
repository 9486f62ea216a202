// Copyright 2026 The PSP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSP_PSP_H_
#define PSP_PSP_H_

#include "psp/bootstrap.h"
#include "psp/bundle.h"
#include "psp/centroids.h"
#include "psp/ctc_align.h"
#include "psp/dimension_table.h"
#include "psp/distributional.h"
#include "psp/error.h"
#include "psp/phoneme_probes.h"
#include "psp/reference_bank.h"
#include "psp/report.h"
#include "psp/scorecard.h"
#include "psp/scoring.h"
#include "psp/tensor_file.h"
#include "psp/text_targets.h"
#include "psp/types.h"

#endif  // PSP_PSP_H_
