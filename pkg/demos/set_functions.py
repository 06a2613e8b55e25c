"""The function model over a field of sets, and finite Boolean algebras as projection lattices."""
from synaptica import SetFnModel, boolean_realize, carrier, field_generate, join, meet, ortho, polar, sqrt_psd
from synaptica.setfn_model import measurable

field = field_generate(5, [[0, 1], [2]])
print("field generated by {0,1} and {2}:", [sorted(s) for s in field.sets()])

model = SetFnModel(field)
f = model.element([4.0, 4.0, -9.0, 1.0, 1.0])
print("f =", f.data, " measurable:", measurable(f))
print("sqrt(f^2) =", sqrt_psd(f * f).data)
print("carrier(f) =", carrier(f).data)
print("sgn(f) =", polar(f).signum.data)

try:
    model.element([1.0, 2.0, 0.0, 0.0, 0.0])
except ValueError as exc:
    print("rejected:", exc)

# the Boolean algebra with 3 atoms, realized as indicator functions
br = boolean_realize(3)
a, b = br.realize(0b011), br.realize(0b110)
print("atoms:", [p.data.tolist() for p in br.atom_map])
print("meet:", meet(a, b).data, " join:", join(a, b).data, " complement of a:", ortho(a).data)
print("projections:", len(br.model.projections()))
