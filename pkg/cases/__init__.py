"""
Registered verification cases, discovered by utils.case_factory.CaseFactory.
"""
