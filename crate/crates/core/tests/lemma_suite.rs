//! Sound lemmas on every closed family with n <= 3 and on seeded random
//! families for n in 4..=8. The acceptance target repeats this at full scale.

use iclab_core::claims::ClaimId;
use iclab_core::explore::{enumerate_closed, random_closed_stream, Filters};
use iclab_core::{full_report, Family};

const SOUND: [ClaimId; 3] = [ClaimId::Lemma1, ClaimId::Lemma2, ClaimId::Lemma3];

fn assert_sound(f: &Family) {
    let r = full_report(f);
    for id in SOUND {
        if let Some(c) = r.claim(id) {
            assert!(c.holds, "{id} fails on {:?}: {:?}", f.sets(), c.witnesses);
        }
    }
    if let Some(t) = &r.trace {
        for rec in t.records() {
            assert!(rec.root.is_none_or(|j| j > rec.level));
        }
        for c in t.cylinders() {
            assert!(
                r.checked.iter().all(|s| !c.contains(s)),
                "exclusion set meets the family"
            );
        }
    }
}

#[test]
fn exhaustive_small_ground_sets() {
    for n in 1..=3 {
        let mut checked = 0;
        enumerate_closed(n, Filters::default(), |f| {
            assert_sound(f);
            checked += 1;
        })
        .unwrap();
        assert!(checked > 0);
    }
}

#[test]
fn seeded_random_families() {
    for n in 4..=8 {
        for s in 0..1_000u64 {
            let k = 2 + (s as usize % (2 * n));
            assert_sound(&random_closed_stream(n, k, 2024, s).unwrap());
        }
    }
}
