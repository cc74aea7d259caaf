//! The ten-job, two-oven example instance used throughout the tests,
//! together with a layout that attains its optimum (p = 158, t = 8, sc = 72).

use crate::model::{Attr, Instance, Job, JobId, Layout, Machine, MachineId, Window};

/// Ten jobs, two machines, two attributes.
pub fn example_instance() -> Instance {
    let machines = vec![
        Machine {
            capacity: 18,
            initial_attribute: Attr(0),
            availability: vec![Window::new(21, 250)],
        },
        Machine {
            capacity: 20,
            initial_attribute: Attr(1),
            availability: vec![Window::new(103, 259)],
        },
    ];
    // (eligible, release, due, min, max, size, attribute), one-based numbers
    #[rustfmt::skip]
    let table: [(&[usize], i64, i64, i64, i64, u64, usize); 10] = [
        (&[1, 2], 2, 16, 11, 11, 18, 2),
        (&[1, 2], 3, 20, 10, 50, 16, 2),
        (&[2], 8, 43, 19, 19, 17, 2),
        (&[1], 1, 24, 19, 19, 2, 1),
        (&[1, 2], 39, 55, 10, 50, 6, 2),
        (&[2], 41, 64, 19, 50, 19, 2),
        (&[1, 2], 40, 56, 11, 50, 11, 2),
        (&[1], 31, 89, 50, 50, 11, 2),
        (&[2], 27, 58, 19, 19, 4, 1),
        (&[1, 2], 16, 27, 11, 50, 14, 1),
    ];
    let jobs = table
        .iter()
        .map(|&(elig, release, due, min_time, max_time, size, attr)| Job {
            attribute: Attr::from_number(attr),
            size,
            release,
            due,
            min_time,
            max_time,
            eligible: elig.iter().map(|&m| MachineId::from_number(m)).collect(),
        })
        .collect();
    Instance {
        machines,
        jobs,
        attribute_count: 2,
        setup_times: vec![vec![0, 0], vec![3, 8]],
        setup_costs: vec![vec![6, 8], vec![10, 10]],
    }
}

/// An optimal layout for [`example_instance`].
pub fn example_optimal_layout() -> Layout {
    let b = |ids: &[usize]| ids.iter().map(|&n| JobId::from_number(n)).collect::<Vec<_>>();
    vec![
        vec![b(&[4, 10]), b(&[5, 7]), b(&[8]), b(&[1]), b(&[2])],
        vec![b(&[9]), b(&[3]), b(&[6])],
    ]
}
