use mvmob_core::dsl::{
    parse_correspondences, parse_data, parse_logic, parse_navigation, parse_ui,
    print_correspondences, print_data, print_logic, print_navigation, print_ui,
};
use mvmob_core::testkit::{
    random_correspondences, random_data, random_logic, random_navigation, random_ui, rng,
};

const MODELS: u64 = 300;

macro_rules! round_trip {
    ($name:ident, $gen:ident, $print:ident, $parse:ident, $file:literal) => {
        #[test]
        fn $name() {
            for seed in 0..MODELS {
                let model = $gen(&mut rng(seed));
                let text = $print(&model);
                let parsed = $parse(&text, $file);
                assert!(
                    parsed.diagnostics.is_empty(),
                    "seed {seed}: {:?}\n{text}",
                    parsed.diagnostics
                );
                let back = parsed.model.expect("parsed model");
                assert_eq!(back, model, "seed {seed}:\n{text}");
                assert_eq!(
                    $print(&back),
                    text,
                    "seed {seed}: printing is not a fixpoint"
                );
            }
        }
    };
}

round_trip!(
    navigation,
    random_navigation,
    print_navigation,
    parse_navigation,
    "r.nav"
);
round_trip!(data, random_data, print_data, parse_data, "r.data");
round_trip!(ui, random_ui, print_ui, parse_ui, "r.ui");
round_trip!(logic, random_logic, print_logic, parse_logic, "r.bl");

#[test]
fn correspondences() {
    for seed in 0..MODELS {
        let model = random_correspondences(&mut rng(seed));
        let text = print_correspondences(&model);
        let parsed = parse_correspondences(&text, "r.corr");
        assert!(
            parsed.diagnostics.is_empty(),
            "seed {seed}: {:?}",
            parsed.diagnostics
        );
        assert_eq!(parsed.model.expect("parsed"), model, "seed {seed}:\n{text}");
    }
}
