//! Blowfish, EksBlowfish, bcrypt and MFcrypt against the RustCrypto crates,
//! published bcrypt vectors and frozen values from tests/oracle/oracles.py.

use blowfish::cipher::{generic_array::GenericArray, BlockEncrypt, KeyInit};
use blowfish::Blowfish;
use hashvault::bcrypt::{
    bcrypt_hash, bcrypt_key, bcrypt_verify, eksblowfish_setup, BcryptRecord, BlowfishState,
    CostParameter,
};
use hashvault::mfcrypt::{block_mix, mfcrypt, romix, MfParams, MfcryptRecord, MixBlock};
use proptest::prelude::*;

fn salt_from_hex(s: &str) -> [u8; 16] {
    hex::decode(s).unwrap().try_into().unwrap()
}

#[test]
fn openwall_vectors() {
    let salt = salt_from_hex("10410410410410410410410410410410");
    let cost = CostParameter::new(5).unwrap();
    for (pw, verifier) in [
        ("U*U", "1bb69143f9a8d304c8d23d99ab049a77a68e2ccc744206"),
        ("U*U*", "5c84350bdfbaa96ac16f615ae79f35cfdacd682d369f23"),
    ] {
        let rec = bcrypt_hash(pw.as_bytes(), &salt, cost).unwrap();
        assert_eq!(hex::encode(rec.verifier), verifier, "{pw}");
    }
}

#[test]
fn cost_ten_vector_and_record_round_trip() {
    let salt = salt_from_hex("71d79f8218a39259a7a29aabb2dbafc3");
    let rec = bcrypt_hash(b"123456", &salt, CostParameter::new(10).unwrap()).unwrap();
    assert_eq!(
        hex::encode(rec.verifier),
        "cc5db1132c018787233d72cd379edb682e33c244f4449f"
    );
    let parsed: BcryptRecord = rec.to_string().parse().unwrap();
    assert_eq!(parsed, rec);
    assert!(bcrypt_verify(b"123456", &parsed));
    assert!(!bcrypt_verify(b"1234567", &parsed));
}

#[test]
fn frozen_romix_vectors() {
    let input = MixBlock::from_slice(&(0..128).map(|i| i as u8).collect::<Vec<_>>()).unwrap();
    assert_eq!(
        hex::encode(block_mix(&input).as_bytes()),
        "e410cfe6942df4122d94165797aa8c124e7e76c95996b6f4cba24716998e8f700f5555dc02fb8aaa90f26ec2cf3210a102b6909500a578a399e28ec8ad7d2029dd4f480adbe89d5bb2470a7a9534c54b690118ac60c8ed9ec3508b41789e9bd172e56d50fee4feca04d9da7ebcb4a50e0838db71551a4cc817105f542509c0d6"
    );
    assert_eq!(
        hex::encode(romix(&input, 2).as_bytes()),
        "dd546d9a0cf5ba1a4d3e5278dfa00b07812c128e28297704297774c46febff2f267d5f8a6495a0d9641bd0d62bbc60c14daa6044801454dfaa0b22076c96cfb43acb9d76185d1d61cc9c07be28aeb618f9859cebddb7b52be0dade2b3f7afd1016dcdbe2d2003b19ba1f86d6e0452728fcf818b7298ad38910f07176f35c1893"
    );
    assert_eq!(
        hex::encode(romix(&input, 16).as_bytes()),
        "a944c82b7cb050c92acf80c65fef56edad3491ec5e42bc4a7689ae7cfc0e4a45eb17aa91c653c8a9a508561773d864d5e31c47244608dd9f2809339bf8ebe46a82f59f3b59530291f0cbaa4d7846c37636a6b738c10da1a7f9fb902d80f265976b1ca2ae5e2cf1d4e44d50b414d0c453231b3595af4eb9794aca762979f36930"
    );
}

#[test]
fn frozen_mfcrypt_vectors() {
    // (password, salt, log2 N, p, dk_len, expected)
    type Case = (&'static [u8], &'static [u8], u8, u32, usize, &'static str);
    let cases: [Case; 3] = [
        (b"password", b"salt", 1, 1, 16, "61619877225d8271c9fcb3cca2009964"),
        (
            b"password",
            b"salt",
            1,
            2,
            32,
            "204fdec85d741c2c064ae46bc9ef967a87cb0c6bb639fce2685cdd026921a25e",
        ),
        (
            b"pleaseletmein",
            b"SodiumChloride",
            10,
            2,
            64,
            "f255d79f3126e16fe1a33c55dd447d4e1c2505ba85786bddf1f271905d0f11be2adc0ded292a5e18934e35ce167390a937f2c8ff30662e4f833a3e5e0caad7d2",
        ),
    ];
    for (pw, salt, log_n, p, dk, expected) in cases {
        let params = MfParams::new(log_n, p, dk).unwrap();
        assert_eq!(hex::encode(mfcrypt(pw, salt, &params).unwrap()), expected);
    }
}

#[test]
fn mfcrypt_record_round_trip() {
    let params = MfParams::new(4, 2, 24).unwrap();
    let rec = MfcryptRecord::create(b"hunter2", b"NaCl", &params).unwrap();
    let parsed: MfcryptRecord = rec.to_string().parse().unwrap();
    assert_eq!(parsed, rec);
    assert!(parsed.verify(b"hunter2"));
    assert!(!parsed.verify(b"hunter3"));
}

#[test]
fn bcrypt_password_length_limits() {
    let cost = CostParameter::new(4).unwrap();
    assert!(bcrypt_hash(b"", &[0; 16], cost).is_err());
    assert!(bcrypt_hash(&[b'a'; 72], &[0; 16], cost).is_ok());
    assert!(bcrypt_hash(&[b'a'; 73], &[0; 16], cost).is_err());
}

#[test]
fn mfcrypt_memory_budget() {
    let tight = MfParams::new(14, 1, 32).unwrap().with_memory_cap(1 << 20);
    assert!(mfcrypt(b"pw", b"salt", &tight).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blowfish_matches_reference(
        key in proptest::collection::vec(any::<u8>(), 4..=56),
        block in any::<[u8; 8]>(),
    ) {
        let ours = BlowfishState::with_key(&key).unwrap();
        let theirs = <Blowfish as KeyInit>::new_from_slice(&key).unwrap();
        let mut b = GenericArray::clone_from_slice(&block);
        theirs.encrypt_block(&mut b);
        prop_assert_eq!(ours.encrypt_block(block).to_vec(), b.to_vec());
        prop_assert_eq!(ours.decrypt_block(ours.encrypt_block(block)), block);
    }

    #[test]
    fn salted_expansion_matches_reference(
        key in proptest::collection::vec(any::<u8>(), 1..=72),
        salt in any::<[u8; 16]>(),
        words in any::<[u32; 2]>(),
    ) {
        let mut ours = BlowfishState::init();
        ours.expand_key(&salt, &key).unwrap();
        let mut theirs = Blowfish::bc_init_state();
        theirs.salted_expand_key(&salt, &key);
        let (l, r) = ours.encrypt_words(words[0], words[1]);
        prop_assert_eq!([l, r], theirs.bc_encrypt(words));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn bcrypt_matches_reference(
        password in proptest::collection::vec(1u8..=255, 1..=72),
        salt in any::<[u8; 16]>(),
    ) {
        let cost = CostParameter::new(4).unwrap();
        let ours = bcrypt_hash(&password, &salt, cost).unwrap();
        let key = bcrypt_key(&password).unwrap();
        let theirs = bcrypt::bcrypt(4, salt, &key);
        prop_assert_eq!(ours.verifier.to_vec(), theirs[..23].to_vec());
    }

    #[test]
    fn eks_state_matches_reference(
        key in proptest::collection::vec(any::<u8>(), 1..=72),
        salt in any::<[u8; 16]>(),
    ) {
        let cost = CostParameter::new(4).unwrap();
        let ours = eksblowfish_setup(cost, &salt, &key).unwrap();
        let mut theirs = Blowfish::bc_init_state();
        theirs.salted_expand_key(&salt, &key);
        for _ in 0..cost.iterations() {
            theirs.bc_expand_key(&key);
            theirs.bc_expand_key(&salt);
        }
        let (l, r) = ours.encrypt_words(0x4f727068, 0x65616e42);
        prop_assert_eq!([l, r], theirs.bc_encrypt([0x4f727068, 0x65616e42]));
    }
}
