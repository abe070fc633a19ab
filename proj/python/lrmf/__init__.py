# Copyright 2026 The lrmf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Error metrics and correlated noise for matrix-factorized private SGD."""

try:
    from ._lrmf import (
        Factorization,
        evaluate,
        factorize,
        lower_bounds,
        rate_predictor,
        regularity,
        schedule,
        sensitivity_multi,
        simulate_quadratic,
    )
except ImportError:
    # Build-tree runs put the extension on sys.path next to the package.
    from _lrmf import (
        Factorization,
        evaluate,
        factorize,
        lower_bounds,
        rate_predictor,
        regularity,
        schedule,
        sensitivity_multi,
        simulate_quadratic,
    )

__all__ = [
    "Factorization",
    "evaluate",
    "factorize",
    "lower_bounds",
    "rate_predictor",
    "regularity",
    "schedule",
    "sensitivity_multi",
    "simulate_quadratic",
]

__version__ = "0.1.0"
