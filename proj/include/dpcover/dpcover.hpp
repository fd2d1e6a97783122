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

#ifndef DPCOVER_DPCOVER_HPP
#define DPCOVER_DPCOVER_HPP

#include "closed_form.hpp"
#include "double_cover.hpp"
#include "errors.hpp"
#include "feasibility.hpp"
#include "finite_field.hpp"
#include "gaussian.hpp"
#include "json_io.hpp"
#include "maslov.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "quadext.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "scheme.hpp"
#include "symplectic.hpp"

#endif
