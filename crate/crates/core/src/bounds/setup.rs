use crate::model::Instance;

/// Setup cost bound assuming the cheapest setup before, respectively after,
/// every batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetupBound {
    pub before: u64,
    pub after: u64,
    pub value: u64,
}

/// `batches[r]` is a lower bound on the number of batches of attribute `r`.
pub fn setup_cost_lb(instance: &Instance, batches: &[u64]) -> SetupBound {
    let total: u64 = batches.iter().sum();
    let cheapest_into = |r| {
        instance
            .attributes()
            .map(|s| instance.setup_cost(s, r))
            .min()
            .unwrap_or(0)
    };
    let cheapest_out_of = |r| {
        instance
            .attributes()
            .map(|s| instance.setup_cost(r, s))
            .min()
            .unwrap_or(0)
    };

    let before = instance
        .attributes()
        .zip(batches)
        .map(|(r, &b)| b * cheapest_into(r))
        .sum();

    // (cost, multiplicity) pairs: every batch and every machine's initial
    // state can precede a batch
    let mut list: Vec<(u64, u64)> = instance
        .attributes()
        .zip(batches)
        .map(|(r, &b)| (cheapest_out_of(r), b))
        .chain(
            instance
                .machines
                .iter()
                .map(|m| (cheapest_out_of(m.initial_attribute), 1)),
        )
        .collect();
    list.sort_unstable();
    let mut remaining = total;
    let mut after = 0;
    for (cost, count) in list {
        let take = count.min(remaining);
        after += take * cost;
        remaining -= take;
    }

    SetupBound {
        before,
        after,
        value: before.max(after),
    }
}
