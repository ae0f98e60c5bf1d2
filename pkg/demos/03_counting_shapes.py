"""Counting tree shapes of spaces attaining the bound."""

# %%
from gomory_hu import enumerate_sb_trees, otter_count, realize_space_from_tree, spectrum
from gomory_hu.counting import count_table_csv

print(count_table_csv(12))

# %%
for code in enumerate_sb_trees(5):
    X = realize_space_from_tree(code)
    print(code, [str(v) for v in spectrum(X)])

# %%
# recurrence against brute enumeration
print([otter_count(k) == len(enumerate_sb_trees(k + 1)) for k in range(1, 12)])
