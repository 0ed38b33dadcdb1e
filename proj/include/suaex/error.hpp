// Copyright 2026 The SUAEx-cpp Authors.
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

#ifndef SUAEX_ERROR_HPP_
#define SUAEX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace suaex {

// Base of every error raised by the library. The CLI prints what() as its
// one-line diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SUAEX_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

SUAEX_DEFINE_ERROR(InvalidArgument);
SUAEX_DEFINE_ERROR(IoError);

// embedding
SUAEX_DEFINE_ERROR(EmptyVocabulary);
SUAEX_DEFINE_ERROR(MalformedModelFile);
SUAEX_DEFINE_ERROR(OutOfVocabulary);
SUAEX_DEFINE_ERROR(ZeroNormVector);

// attention
SUAEX_DEFINE_ERROR(EmptyGroupInVocabulary);
SUAEX_DEFINE_ERROR(AllTokensOOV);

// classify
SUAEX_DEFINE_ERROR(UnknownCategory);
SUAEX_DEFINE_ERROR(UnclassifiableSentence);

// eval
SUAEX_DEFINE_ERROR(MissingPrediction);
SUAEX_DEFINE_ERROR(UnknownGoldLabel);
SUAEX_DEFINE_ERROR(EmptyInput);

// cli
SUAEX_DEFINE_ERROR(ConfigError);
SUAEX_DEFINE_ERROR(MalformedFile);

#undef SUAEX_DEFINE_ERROR

}  // namespace suaex

#endif  // SUAEX_ERROR_HPP_
