"""
Walking the fibration catalog
=============================

Every compact simple group G with an equal-rank subgroup K obtained by
one round of root deletion gives a homogeneous base M = G/K.  When the
deleted data leaves a subgroup that locally splits as K1 x K2, the
quotient by the smaller factor fibers over M with totally geodesic
fibers.  This script enumerates those splittings and reads off the
bookkeeping the library attaches to each one.
"""

from isofib.dynkin import CatalogConfig, catalog, record_to_dict

# the default configuration scans classical families through rank 8 and
# all five exceptional types; include_simple_k keeps the cases where the
# subgroup is simple, which admit no splitting but document the scan
result = catalog(CatalogConfig(include_simple_k=True))
print(f"cases scanned:     {len(result.cases)}")
print(f"fibration records: {len(result.records)}")

# each record names the total space, the base, and which factor of the
# isotropy was kept; slugs are stable identifiers used across the package
by_class = {}
for rec in result.records:
    d = record_to_dict(rec)
    by_class.setdefault(d["class"], []).append(d)

print("\nrecords per class:")
for name in sorted(by_class):
    print(f"  {name:24s} {len(by_class[name]):4d}")

# one record in full: the self-paired exceptional case has two bundle
# labels over the same base, swapped by the outer symmetry of the pair
sample = next(d for d in map(record_to_dict, result.records) if d["g"] == "E8" and d["k1"] == "A4")
print("\na single record, all fields:")
for key in sorted(sample):
    print(f"  {key:28s} {sample[key]}")

# Euler characteristics come from exact Weyl-order ratios, so equal-rank
# bases always carry a positive integer
chis = [
    record_to_dict(r)["euler_characteristic"]
    for r in result.records
    if record_to_dict(r)["equal_rank"]
]
print(f"\nequal-rank records: {len(chis)}; chi range {min(chis)} .. {max(chis)}")
