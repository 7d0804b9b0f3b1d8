"""Random instance generators and an independent element-level oracle."""

from .generators import (SCHEMES, GenConfig, conjugate_ladder, epi_kernel_ladder, split_ladder, gen_ladder, gen_nine_grid,
                         ladder_stream, random_automorphism, random_epic, random_fp_map,
                         random_hom, random_monic, random_object, random_quotient,
                         random_ses, random_space, summand_complement)
from .oracle import ElementTable, Oracle, oracle_check

__all__ = [
    "SCHEMES", "GenConfig", "conjugate_ladder", "epi_kernel_ladder", "split_ladder", "gen_ladder", "gen_nine_grid",
    "ladder_stream", "random_automorphism", "random_epic", "random_fp_map", "random_hom",
    "random_monic", "random_object", "random_quotient", "random_ses", "random_space",
    "summand_complement", "ElementTable", "Oracle", "oracle_check",
]
