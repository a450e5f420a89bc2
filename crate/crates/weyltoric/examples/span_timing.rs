fn main() {
    for (ring, label) in [
        (weyltoric::rings::RingSpec::singular_x(3), "singular n=3"),
        (weyltoric::rings::RingSpec::resolution_x(3, 0), "resolution n=3"),
    ] {
        let t0 = std::time::Instant::now();
        let rep = weyltoric::span::span_oracle(&ring, 4, 3);
        println!(
            "{label}: targets={}, spanned={}, validated={}, per-order={:?}, elapsed={:?}",
            rep.monomials.len(), rep.all_spanned, rep.certificates_validated,
            rep.min_word_len_per_order, t0.elapsed()
        );
    }
}
