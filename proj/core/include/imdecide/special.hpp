// Copyright 2026 The imdecide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Special functions backing the distribution kernel. Everything here is
// accurate to a few ulps in the bulk and keeps relative accuracy in the tails
// where the callers need it (complements are provided rather than 1 - x).

namespace imdecide::special {

double normal_pdf(double x);
double normal_log_pdf(double x);
double normal_cdf(double x);
double normal_ccdf(double x);
// log Phi(x), finite for all finite x.
double normal_log_cdf(double x);

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b) and its complement 1 - I_x(a, b).
double ibeta(double a, double b, double x);
double ibetac(double a, double b, double x);
// Same, with y = 1 - x supplied exactly by the caller.
double ibeta(double a, double b, double x, double y);
double ibetac(double a, double b, double x, double y);

// Inverse of I_x(a, b) in x. `p` is the lower tail probability; the
// complementary form takes the upper tail q = 1 - p for accuracy near 1.
double ibeta_inv(double a, double b, double p);
double ibetac_inv(double a, double b, double q);

}  // namespace imdecide::special
