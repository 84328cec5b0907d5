"""
END Optimizer - Command Line Entry Point

    python cli.py design --mode steiner_undirected --layout mock_data/layouts/five_agent_ring.txt
    python cli.py run --algorithm push_sum --design-mode customized --seed 3
    python cli.py sweep --seeds 0 1 2 3 4 --r-c-min 0.1 0.25 --workers 4
"""

import sys

from src.infrastructure.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
