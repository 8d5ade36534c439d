from apx import SubsetMask, make_group


def mask(moduli, indices):
    return SubsetMask.from_indices(make_group(moduli), indices)
