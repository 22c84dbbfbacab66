"""Element expressions exercised by the property suites.

Each entry is (expression, element type); the type names the codomain so
the lazy/full agreement check can pick out nat and list(nat) elements.
"""

NAT_ELEMENTS = [
    "0", "s.0", "s.s.s.0",
    "add.pair(s.0,s.s.0)",
    "eval.pair(pr(curry(pi2),curry(s.eval)).pi1,pi2).pair(s.0,s.0)",
    "mult.pair(s.s.0,s.s.s.0)",
    "fact.s.s.s.0",
    "head.incseq",
    "head.tail.tail.tail.incseq",
    "head.tail.tail.alt.pair(incseq,infseq)",
    "pi1.pair(s.0,nil)",
    "eval.pair(curry(s.pi2),s.0)",
    "case(0,s).pr(in1,in2.case(0,s)).s.s.0",
    "case(0,s).in2.s.0",
    "output'.univ'(pi1,id).s.0",
    "output'.next'.pair(univ'(add,id).0,s.s.0)",
    "head.fold(id,s.s).s.0",
]

LIST_ELEMENTS = [
    "nil",
    "cons.pair(0,nil)",
    "seq.s.s.s.0",
    "append.pair(seq.s.s.0,seq.s.s.s.0)",
    "reverse.seq.s.s.s.0",
    "list(s).seq.s.s.0",
    "list(add).cons.pair(pair(s.0,s.0),nil)",
    "case(id,nil).tl.seq.s.s.0",
]

OTHER_ELEMENTS = [
    "hd.seq.s.s.s.0",
    "hd.nil",
    "hdp.tl.seq.s.s.s.0",
    "tlp.tl.seq.s.s.0",
    "pair(s.0,nil)",
    "prod(s,list(s)).pair(0,seq.s.0)",
    "coprod(s,id).in1.0",
    "curry(pi2).0",
    "exp(s,s).curry(pi2).!",
    "pred.copr(in1).!",
    "pred.copr(in2).!",
    "incseq",
    "tail.alt.pair(incseq,infseq)",
    "id",
    "!",
]

ELEMENTS = NAT_ELEMENTS + LIST_ELEMENTS + OTHER_ELEMENTS
