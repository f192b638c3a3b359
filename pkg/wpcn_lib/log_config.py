#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
import logging
import logging.config
import os
from typing import Optional

import coloredlogs
import yaml

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def setup_logging(
    default_path: str = "logging.yaml",
    default_level=logging.INFO,
    env_key: str = "WPCN_LOG_CFG",
    level_override: Optional[int] = None,
):
    """Configure logging from a YAML dictConfig file, else coloredlogs defaults.

    The file path is taken from `env_key` when set. `level_override` (the
    CLI's -v/-q flags) wins over whatever the file says for the root logger
    and for every logger the file names.
    """
    path = os.getenv(env_key, None) or default_path
    level = default_level if level_override is None else level_override

    if os.path.exists(path):
        with open(path, "rt") as file:
            try:
                config = yaml.safe_load(file.read())
                logging.config.dictConfig(config)
                if level_override is None:
                    coloredlogs.install(fmt=LOG_FORMAT)
                else:
                    coloredlogs.install(level=level_override, fmt=LOG_FORMAT)
                    for name in [""] + list(config.get("loggers", {})):
                        logging.getLogger(name).setLevel(level_override)
                logging.info(f"Logging configuration loaded from file: {path}")
                return
            except Exception as ex:
                print(ex)
                print("Error in Logging Configuration. Using default configs")

    logging.basicConfig(level=level, format=LOG_FORMAT)
    coloredlogs.install(level=level, fmt=LOG_FORMAT)
    logging.getLogger().setLevel(level)
