/*
   Copyright 2026 The dpcover Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DPCOVER_REPORT_HPP
#define DPCOVER_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>

namespace dpcover {

// Outcome of a verification routine. `failure` names the first violated
// condition with its witness; `counts` carries census numbers for callers.
struct Report {
    bool passed = true;
    std::string failure;
    std::map<std::string, std::int64_t> counts;

    void fail(const std::string& what) {
        if (passed) failure = what;
        passed = false;
    }
    explicit operator bool() const noexcept { return passed; }
};

}  // namespace dpcover

#endif
