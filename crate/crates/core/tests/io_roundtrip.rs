use osp_core::io::{
    generate_instance, parse_instance, parse_solution, write_instance, write_solution,
    GeneratorConfig,
};
use osp_core::{construct, ObjectiveWeights};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_instances_round_trip(n in 1usize..40, k in 1usize..5, a in 1usize..5, seed in any::<u64>()) {
        let inst = generate_instance(&GeneratorConfig::new(n, k, a, seed)).unwrap();
        let text = write_instance(&inst);
        prop_assert_eq!(&parse_instance(&text).unwrap(), &inst);

        let (sol, _) = construct(&inst, &ObjectiveWeights::for_instance(&inst)).unwrap();
        let mut back = parse_solution(&write_solution(&sol)).unwrap();
        back.machines.resize(sol.machines.len(), Vec::new());
        prop_assert_eq!(back, sol);
    }

    #[test]
    fn generation_is_a_function_of_the_config(n in 1usize..30, seed in any::<u64>()) {
        let config = GeneratorConfig::new(n, 2, 3, seed);
        prop_assert_eq!(generate_instance(&config).unwrap(), generate_instance(&config).unwrap());
    }

    #[test]
    fn garbage_never_panics(text in "\\PC{0,200}") {
        let _ = parse_instance(&text);
        let _ = parse_solution(&text);
    }
}

#[test]
fn seeds_give_different_instances() {
    let a = generate_instance(&GeneratorConfig::new(20, 2, 2, 1)).unwrap();
    let b = generate_instance(&GeneratorConfig::new(20, 2, 2, 2)).unwrap();
    assert_ne!(a, b);
}
