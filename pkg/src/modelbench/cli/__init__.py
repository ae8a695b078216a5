# Copyright 2025 TAKKT Industrial & Packaging GmbH
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
# SPDX-License-Identifier: Apache-2.0

try:
    from ._cli import cli, main
except ImportError as e:
    raise ImportError(
        "To use the modelbench CLI, you have to install modelbench with the `cli` extra, e.g. by running: uv add modelbench[cli]"
    ) from e

__all__ = ["cli", "main"]


if __name__ == "__main__":
    main()
