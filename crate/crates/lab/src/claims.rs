//! Every claim a campaign can report on. Reports refer to claims by id, and
//! a report with an unregistered id is a programming error.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: &'static str,
    pub campaign: &'static str,
    pub statement: &'static str,
}

const fn c(id: &'static str, campaign: &'static str, statement: &'static str) -> Claim {
    Claim {
        id,
        campaign,
        statement,
    }
}

pub static CLAIMS: &[Claim] = &[
    c(
        "appendix.action-routes",
        "appendix",
        "the action of a biset on limits agrees term by term with orbit counting on the concrete bisets S\\Tu",
    ),
    c(
        "appendix.adjunction-minus-plus",
        "appendix",
        "(psi^-)^+ = psi for psi = phi^+",
    ),
    c(
        "appendix.adjunction-plus-minus",
        "appendix",
        "(phi^+)^- = phi for natural families phi",
    ),
    c(
        "appendix.composed-left-transporter",
        "appendix",
        "v(uX) = (v,u)X in V x_Q U",
    ),
    c(
        "appendix.composed-right-transporter",
        "appendix",
        "(Z^v)^u = Z^(v,u) in V x_Q U",
    ),
    c(
        "appendix.composition-identity",
        "appendix",
        "the identity biset acts as the identity on limits",
    ),
    c(
        "appendix.composition-product",
        "appendix",
        "acting by U then V equals acting by V x_Q U",
    ),
    c(
        "appendix.conjugation-left",
        "appendix",
        "y(uX)y^-1 = (yu)X for left transporters",
    ),
    c(
        "appendix.conjugation-right",
        "appendix",
        "(T^u)^x = T^(ux) for right transporters",
    ),
    c(
        "appendix.family",
        "appendix",
        "a biset sends compatible families to compatible families",
    ),
    c(
        "appendix.left-transported-section",
        "appendix",
        "(uY, uX) is a section and uY/uX is isomorphic to (Y n Q^u)X/(Y n 1^u)X",
    ),
    c(
        "appendix.orbit-quotient",
        "appendix",
        "(C\\V) x_B/A (A\\U) is isomorphic to C\\(V x_B U) when A acts trivially on C\\V",
    ),
    c(
        "appendix.quotient-component",
        "appendix",
        "the component of Defres to T/S at (T',S') is the component of the family at (T',S')",
    ),
    c(
        "appendix.right-transported-section",
        "appendix",
        "(T^u, S^u) is a section and T^u/S^u is isomorphic to (T n uP)S/(T n u1)S",
    ),
    c(
        "exact.dual-naturality",
        "exact",
        "restriction B* -> K* commutes with the duals of Defres, Indinf and conjugation",
    ),
    c(
        "exact.dual-sequence",
        "exact",
        "B*/R_Q* is free of rank equal to rank K*, and the dual sequence is exact",
    ),
    c(
        "induction.delta-identity",
        "induction",
        "Ind eps_JZ - Ind eps_IZ = p delta on every extraspecial section",
    ),
    c(
        "induction.e2-sum",
        "induction",
        "the sum over E2 sections of Indinf K equals K_eps",
    ),
    c("induction.p-multiple", "induction", "p K(P) lies in K_eps(P)"),
    c(
        "induction.rank-two",
        "induction",
        "on C_p x C_p: rank B = p+3, rank of linearization = p+2, K = Z eps",
    ),
    c(
        "induction.ranks",
        "induction",
        "rank B = classes, rank R_Q = cyclic classes, rank K = non-cyclic classes",
    ),
    c(
        "induction.x2-sum",
        "induction",
        "K(P) is the sum over X2 sections of Indinf K(T/S)",
    ),
    c(
        "limit.eta",
        "limit",
        "the limit of the requested system, re-verified, with its unit map",
    ),
    c(
        "limit.system",
        "limit",
        "an ingested coefficient system passes validation and its limit is re-verified",
    ),
    c(
        "main.cokernel-order.E",
        "main",
        "when E contains every elementary abelian section of P, the invariant factors of coker eta^E(K*) divide |P|",
    ),
    c(
        "main.cokernel-order.E2",
        "main",
        "when E2 contains every elementary abelian section of P, the invariant factors of coker eta^E2(K*) divide |P|",
    ),
    c(
        "main.cokernel-order.E3",
        "main",
        "when E3 contains every elementary abelian section of P, the invariant factors of coker eta^E3(K*) divide |P|",
    ),
    c(
        "main.cokernel-order.X",
        "main",
        "when X contains every elementary abelian section of P, the invariant factors of coker eta^X(K*) divide |P|",
    ),
    c(
        "main.cokernel-order.X2",
        "main",
        "when X2 contains every elementary abelian section of P, the invariant factors of coker eta^X2(K*) divide |P|",
    ),
    c(
        "main.cokernel-order.X3",
        "main",
        "when X3 contains every elementary abelian section of P, the invariant factors of coker eta^X3(K*) divide |P|",
    ),
    c(
        "main.enlarge-injective",
        "main",
        "if eta^Z is injective then eta^Y and the projection to Z are injective, and the projection of eta^Y is eta^Z",
    ),
    c("main.eta-iso.X", "main", "eta^X(K*) is an isomorphism"),
    c("main.eta-iso.X3", "main", "eta^X3(K*) is an isomorphism"),
    c(
        "main.shrink",
        "main",
        "eta^X iso at P and eta^X3 iso on every X-subquotient imply eta^X3 iso at P",
    ),
    c(
        "main.sigma-retraction",
        "main",
        "eta o sigma = |P| id on the E-limit of K* under the documented index reading",
    ),
    c(
        "probe.counit-surjective",
        "probe",
        "the counit from the X-colimit of K onto K(P) is surjective",
    ),
    c("probe.m-finite", "probe", "the kernel M(P) of the counit is finite"),
];

pub fn lookup(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_sorted_and_unique() {
        for w in CLAIMS.windows(2) {
            assert!(w[0].id < w[1].id, "{} / {}", w[0].id, w[1].id);
        }
        for c in CLAIMS {
            assert!(c.id.starts_with(c.campaign));
        }
    }
}
