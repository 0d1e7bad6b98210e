// SPDX-License-Identifier: Apache-2.0
//
// smgee - energy-efficiency optimization for mmWave large-scale MIMO
// downlinks with spatial modulation and hybrid beamforming
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

#ifndef smgee_cli_H
#define smgee_cli_H

#include <string>
#include <vector>

namespace smgee {

// Entry point behind the `smgee` binary; callable in-process for tests.
// args excludes the program name. Exit status: 0 success, 1 usage or
// validation error, 2 numerical failure.
int cli_main(const std::vector<std::string> &args);

} // namespace smgee

#endif
