"""Pages of three small filtered complexes, and a random one checked end to end."""
import random

from logcoh.exactalg import QQ
from logcoh.specseq import (detect_degeneration, einfinity_matches, named_complex, page,
                            random_filtered_complex, stable_page_index, total_cohomology)

for name in ("dx_eq_y", "d2_only", "exterior_xy"):
    C = named_complex(name)
    print(name)
    for r in range(stable_page_index(C) + 1):
        print(f"  E_{r}: {page(C, r).dims()}")
    print("  degeneration:", tuple(detect_degeneration(C, 4)[:2]))

C = random_filtered_complex(random.Random(7), QQ)
H = total_cohomology(C)
print(f"random complex: dim {C.dim}, spread {C.spread()}, H = {H.dims}")
print("E_inf agrees with gr H:", einfinity_matches(C) == [])
