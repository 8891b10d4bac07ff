//! The online detector agrees with the strictness predicate on every short ternary word.

use superpattern::superpatterns::{is_strict, is_superpattern};
use superpattern::waiting_time::{tau_online, TauDetector};
use superpattern::word::Letter;

fn words(n: usize) -> impl Iterator<Item = Vec<Letter>> {
    (0..3u32.pow(n as u32)).map(move |mut c| {
        let mut w = vec![0; n];
        for slot in w.iter_mut().rev() {
            *slot = (c % 3) as Letter + 1;
            c /= 3;
        }
        w
    })
}

#[test]
fn tau_matches_strictness_on_all_length_seven_words() {
    let mut strict = 0;
    for w in words(7) {
        let tau = tau_online(w.iter().copied(), 3, 3).unwrap();
        assert_eq!(tau == Some(7), is_strict(&w, 3).unwrap(), "{w:?}");
        assert_eq!(tau.is_some(), is_superpattern(&w, 3).unwrap(), "{w:?}");
        strict += usize::from(tau == Some(7));
    }
    assert_eq!(strict, 42);
}

#[test]
fn tau_is_the_first_complete_prefix() {
    for w in words(9).step_by(7) {
        let expected = (1..=w.len()).find(|&n| is_superpattern(&w[..n], 3).unwrap());
        assert_eq!(tau_online(w.iter().copied(), 3, 3).unwrap(), expected, "{w:?}");
    }
}

#[test]
fn detector_reset() {
    let mut det = TauDetector::new(3, 3).unwrap();
    let mut hit = None;
    for &l in &[1, 2, 1, 3, 1, 2, 1] {
        hit = det.push(l).unwrap();
    }
    assert_eq!(hit, Some(7));
    det.reset();
    assert_eq!(det.consumed(), 0);
    assert_eq!(det.missing().len(), 13);
}
