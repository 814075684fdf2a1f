"""
Files on disk
=============

Stripe a file into shard files, lose two, repair, and read it back from
four. The same steps are available as ``mscr encode|repair|decode``.
"""

import os
import tempfile
from pathlib import Path

from mscr import cli, shardfile

work = Path(tempfile.mkdtemp())
src = work / "data.bin"
src.write_bytes(os.urandom(1 << 16))

params = cli.encode_file(src, 8, 4, 6, 2, work / "shards")
print(sorted(p.name for p in (work / "shards").iterdir()))
print((work / "shards" / cli.MANIFEST).read_text())

for i in (3, 7):
    os.remove(work / "shards" / cli.shard_name(i))
counts, session = cli.repair_shards(work / "shards")
print(counts)

for i in (1, 2, 5, 8):
    os.remove(work / "shards" / cli.shard_name(i))
back = cli.decode_file(work / "shards", work / "back.bin")
print(shardfile.fnv1a_64(back) == shardfile.fnv1a_64(src.read_bytes()))
