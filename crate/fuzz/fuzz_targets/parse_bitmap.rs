#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(b) = deckit::io::parse_bitmap(text) {
            if b.shape().iter().product::<usize>() <= 4096 {
                let _ = deckit::cube::build_cube_complex(&b);
            }
        }
    }
});
