"""The explicit splittings behind the braid relations, printed as matrices."""
from artifact import polymat as pm
from artifact.splitting import split_s3, split_two, split_two_with_diagonal

rep = split_two()
print("B (x) B = B + B<pi>")
print("  chi_+ (x) 1   :", pm.to_str(rep["chi_plus_x_1"]))
print("  1 (x) chi_-   :", pm.to_str(rep["one_x_chi_minus"]))
print("  q-rank        :", rep["q_rank"])

rep = split_two_with_diagonal()
print("\nB1 (x) D (x) B1, on (v1, v2)")
print("  chi_- (x) 1 (x) 1 :", pm.to_str(rep["chi_minus_x_1_x_1"]))
print("  1 (x) 1 (x) chi_- :", pm.to_str(rep["one_x_1_x_chi_minus"]))

rep = split_s3()
print("\nB1 B2 B1 = S3 + B1<pi12>, generators (1, y)")
print("  1 (x) chi_- (x) 1 :", [[str(c) for c in r] for r in rep["generator_matrix"]])
print("  with v2 -> -v2    :", [[str(c) for c in r] for r in rep["generator_matrix_flipped_v2"]])
print("  exact sequence splits equivariantly:", not rep["connection_not_split"])
for k, v in rep.items():
    if isinstance(v, bool):
        print(f"  {k}: {v}")
