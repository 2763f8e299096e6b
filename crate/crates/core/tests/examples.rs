macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example();
        }
    };
}

example!(bases);
example!(mappings);
example!(constructors);
example!(fixed_points);
example!(streams);
example!(lambda);
example!(recursion);
example!(effective);
example!(universal);
example!(projections);
example!(cli);
