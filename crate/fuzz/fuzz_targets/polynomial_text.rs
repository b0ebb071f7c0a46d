#![no_main]

use klein11_core::algebra::SparsePoly;
use klein11_core::exact::Cyclotomic;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(p) = SparsePoly::<Cyclotomic>::parse_text(data) {
        let text = p.to_text();
        assert_eq!(SparsePoly::<Cyclotomic>::parse_text(&text).unwrap(), p);
    }
});
