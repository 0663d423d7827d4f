"""
Files and the command line
==========================

Graphs travel as DIMACS edge lists plus a tab-separated label sidecar.
The same checks the library runs are available as ``lklab verify``.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from lkneser import fileio, graphs

tmp = Path(tempfile.mkdtemp())
g = graphs.build_local_kneser(5, 4, 1)
dimacs, labels = fileio.export_graph(g, tmp / "u1_5_4")
print(dimacs.read_text().splitlines()[:4])
print(labels.read_text().splitlines()[:3])
print("reloaded equal:", fileio.load_graph(dimacs, labels).adj == g.adj)

cmd = [sys.executable, "-m", "lkneser", "verify", "--graph", str(dimacs), "--labels", str(labels),
       "--timestamp", "off"]
rep = json.loads(subprocess.run(cmd, capture_output=True, text=True).stdout)
print(rep["summary"])
for rec in rep["records"][:5]:
    print("  ", rec["check"], rec["status"])
