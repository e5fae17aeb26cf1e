/* Copyright 2026 The silrender Authors.

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.*/


// Command-line front end: data generation, rendering, gradient maps,
// gradient checks and fitting.

#ifndef SILRENDER_CLI_H_
#define SILRENDER_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace silrender {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // runtime or numeric failure
inline constexpr int kExitUsage = 2;    // bad flag or configuration value

// args[0] is the program name.
int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace silrender

#endif  // SILRENDER_CLI_H_
