// Copyright 2026 The qbb developers.
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

#ifndef QBB_ERRORS_HPP
#define QBB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qbb {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// linops
struct InvalidOperator : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct UnsupportedMoment : Error { using Error::Error; };

// specfun
struct DomainError : Error { using Error::Error; };
struct InvalidOrder : Error { using Error::Error; };

// model
struct PriorError : Error { using Error::Error; };
struct ModelError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IntegrationError : Error { using Error::Error; };

// bounds
struct DegenerateModel : Error { using Error::Error; };

// povm
struct InvalidPovm : Error { using Error::Error; };
struct ResourceLimit : Error { using Error::Error; };

}  // namespace qbb

#endif  // QBB_ERRORS_HPP
