"""reflbench: an exact workbench for finite complex reflection groups.

Subpackages cover exact cyclotomic arithmetic (`cyclo`), multivariate
polynomials (`mpoly`), finite matrix groups and their reflection data
(`matgroup`), reflection arrangements (`arrangement`), invariant theory
(`invariants`), finitely presented groups and coset enumeration (`fpgroups`),
Garside normal forms for spherical Artin groups (`garside`), the
Grothendieck-Teichmuller-type actions (`gtaction`), covering-space monodromy
(`monodromy`), the verification suite (`suite`) and the CLI (`cli`).
"""

__version__ = "0.1.0"
